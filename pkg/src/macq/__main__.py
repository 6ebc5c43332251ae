"""Allow ``python -m macq`` to behave like the ``macq`` script."""

from .cli import main

if __name__ == "__main__":
    main()
