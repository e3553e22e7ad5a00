"""Tests for the sketch package."""
