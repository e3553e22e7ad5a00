"""Tests for the network package."""
