"""
Point d'entrée principal pour le package Dedek.
"""

import sys

from dedek.cli import main

if __name__ == "__main__":
    sys.exit(main())
