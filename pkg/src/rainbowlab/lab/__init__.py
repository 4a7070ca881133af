"""Command line, random instances and experiment sweeps."""
