"""Integration tests for the SwimCoach API."""
