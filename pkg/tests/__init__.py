"""Tests for viewfuse."""
