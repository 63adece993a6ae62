"""Command-line interface: config loading, output writers and the ``teso`` entry point."""
