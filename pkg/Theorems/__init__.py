# Theorems package init

import sys


def progress(message, verbose=True):
    """Print to stderr when `verbose`."""
    if verbose:
        print(message, file=sys.stderr)
