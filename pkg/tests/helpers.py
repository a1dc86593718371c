"""Shared test utilities: a CLI runner and the documented mutations.

Each mutation rewrites exactly one compose entry of the generated table
over F_5 and is keyed by the check expected to expose it.  The triples
are (first arrow, second arrow, replacement result).
"""

import copy
import subprocess
import sys


def run_cli(*args, binary=False):
    return subprocess.run(
        [sys.executable, "-m", "projline", *args],
        capture_output=True,
        text=not binary,
    )


MUTATIONS = {
    "one": ("0:1>2:1>1:1", "1:1>2:1>0:1", "0:1#2"),
    "two": ("0:1>3:1>1:1", "1:1>3:1>2:1", "0:1>1:0>2:1"),
    "pappus": ("0:1#2", "0:1#3", "0:1#2"),
    "hex1": ("0:1#3", "0:1>1:1>2:1", "0:1>3:1>2:1"),
    "hex2": ("0:1>2:1>1:1", "1:1>0:1>2:1", "0:1>3:1>2:1"),
    "as": ("0:1>1:1>2:1", "2:1>3:1>0:1", "0:1#2"),
    "field": ("0:1>1:1>2:1", "2:1>4:1>0:1", "0:1#3"),
}


def mutate_doc(doc: dict, name: str) -> dict:
    """A deep copy of a table document with one compose entry rewritten."""
    first, second, replacement = MUTATIONS[name]
    out = copy.deepcopy(doc)
    hits = [e for e in out["compose"] if e[0] == first and e[1] == second]
    assert len(hits) == 1, f"mutation {name} must hit exactly one entry"
    assert hits[0][2] != replacement, f"mutation {name} must change the entry"
    hits[0][2] = replacement
    return out
