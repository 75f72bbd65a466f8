"""Tiny helper: expose a dataclass's fields as command-line flags."""
import argparse
from dataclasses import fields


def parse_config(cls, description=None, argv=None):
    ap = argparse.ArgumentParser(description=description)
    for f in fields(cls):
        kind = type(f.default)
        if kind is bool:
            ap.add_argument(f"--{f.name.replace('_', '-')}", action="store_true", default=f.default)
        else:
            ap.add_argument(f"--{f.name.replace('_', '-')}", type=kind, default=f.default)
    return cls(**vars(ap.parse_args(argv)))
