"""Unit tests for SwimCoach domain logic."""
