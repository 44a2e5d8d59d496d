"""Entry point for `python -m latinsq`."""

from .cli import main

if __name__ == "__main__":
    main()
