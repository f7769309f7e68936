import sys
from pathlib import Path

# Allow running from a source checkout without installing the package.
sys.path.insert(0, str(Path(__file__).resolve().parent / "src"))

from berry_esseen.cli import main  # pylint: disable=wrong-import-position

if __name__ == "__main__":
    sys.exit(main())
