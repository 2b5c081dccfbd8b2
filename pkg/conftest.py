import os
import sys

# repo root on the import path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

collect_ignore = ["examples"]
