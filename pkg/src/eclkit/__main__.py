"""Allow running as `python -m eclkit`."""

from eclkit.cli import main

if __name__ == "__main__":
    main()
