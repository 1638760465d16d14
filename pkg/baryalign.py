#!/usr/bin/env python3
"""
BaryAlign - lanzador sin instalación
Alinea representaciones de muchos modelos en un espacio universal y puntúa estímulos
"""

import os
import sys

# Agregar el directorio actual al path para imports
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from baryalign.cli import CLI


def main():
    """Punto de entrada principal"""
    try:
        sys.exit(CLI().run())
    except KeyboardInterrupt:
        print("\n👋 ¡Hasta luego!")
        sys.exit(1)


if __name__ == "__main__":
    main()
