"""Tests for the tensor package."""
