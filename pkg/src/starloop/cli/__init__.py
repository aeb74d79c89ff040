"""Command-line driver for the verification suites."""
