"""Command-line front end: instance files, verification suites, reports."""
