"""Command line helpers: plugin discovery, option validation and listings."""
