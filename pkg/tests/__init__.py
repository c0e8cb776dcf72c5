# Tests for FuchsMatch
