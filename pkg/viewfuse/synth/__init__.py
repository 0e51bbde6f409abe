"""Synthetic multi-view benchmark generation."""

from __future__ import annotations

from .generator import MANIFEST_NAME, SynthConfig, generate_dataset, make_view_transform

__all__ = ["MANIFEST_NAME", "SynthConfig", "generate_dataset", "make_view_transform"]
