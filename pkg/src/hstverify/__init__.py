"""Checks for the archimedean constants of theta lifts to GSp4."""
