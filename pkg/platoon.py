# platoon.py
import sys

from src.cli.commands import main

# ================= Run =================
if __name__ == "__main__":
    # python platoon.py simulate --config config/study.json --out out
    sys.exit(main())
