"""Command-line front end of the cliffsemi package."""
