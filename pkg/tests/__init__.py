"""SwimCoach test suite."""
