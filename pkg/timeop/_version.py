# Current version number, kept here to be separate so it can be imported
# into many files (setup, initial banner, --version command, reports)

__version__ = '0.3.0'
