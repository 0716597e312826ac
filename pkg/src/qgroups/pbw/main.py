from __future__ import annotations

from qgroups.pbw.cli import app


def run():
    app()


if __name__ == "__main__":
    run()
