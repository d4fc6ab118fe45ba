import sys
from pathlib import Path

# make the sibling oracle/fixture helpers importable regardless of how
# pytest was launched
sys.path.insert(0, str(Path(__file__).parent))
