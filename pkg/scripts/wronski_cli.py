import sys

sys.path.insert(0, '.')
from wronski.cli import main


if __name__ == '__main__':
    sys.exit(main())
