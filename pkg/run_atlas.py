import sys

from systolic_atlas.cli import run

if __name__ == "__main__":
    sys.exit(run())
