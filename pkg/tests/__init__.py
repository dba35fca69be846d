"""Tests for the DRE-Bot arena, learners and experiment harness."""
