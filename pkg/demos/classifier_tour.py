"""Partitions and verdicts for the bundled symbolic instances, in both cardinal modes.

Run with ``python demos/classifier_tour.py``.
"""
from pathlib import Path

from graphprod.classifier import classify, classify_restricted
from graphprod.fileformat import load

INSTANCES = Path(__file__).resolve().parent.parent / "instances"


def show(name, mode, **kw):
    inst = load(str(INSTANCES / name)).instance()
    if kw:
        v = classify_restricted(inst, mode, **kw)
        print(f"--- {name} [{mode}] B = {kw.get('query_b')}: {v.outcome}")
        for e in v.failing:
            print("   ", e.line())
        return
    c = classify(inst, mode)
    print(f"--- {name} [{mode}]: {c.verdict.outcome}"
          + (f", restricted {c.restricted.outcome}" if c.restricted else ""))
    for line in c.partition.lines(inst):
        print("   ", line)


def main():
    for mode in ("not-ch", "ch"):
        show("exceptional_center.gp", mode)
    show("block_classes.gp", "not-ch")
    show("block_classes.gp", "not-ch", query_b=["X1", "Y1"])
    show("block_classes.gp", "ch", query_b=["X1", "Y1"])


if __name__ == "__main__":
    main()
