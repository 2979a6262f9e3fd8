"""Entry point for running lacunary-harmonic as a module."""

from .cli import app

if __name__ == "__main__":
    app()
