"""Tests for tncsketch."""
