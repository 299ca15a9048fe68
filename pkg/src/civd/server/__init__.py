"""Configuration, file formats and the operations behind the command line."""
