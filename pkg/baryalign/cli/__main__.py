"""
Punto de entrada para ejecutar el CLI como módulo
Uso: python -m baryalign.cli
"""

from .cli import main

if __name__ == "__main__":
    main()
