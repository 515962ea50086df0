"""
Interrupting and resuming a long count
======================================

Progress is saved after every segment. A run cut short (here by capping the
number of segments) picks up where it stopped and yields the same count and
digest as an uninterrupted run.
"""

import tempfile
from pathlib import Path

from aprimes import RunInterrupted, count_a_sieve

x, segment = 10**7, 1 << 20
reference = count_a_sieve(x, segment)

with tempfile.TemporaryDirectory() as tmp:
    ckpt = Path(tmp) / "count.json"
    try:
        count_a_sieve(x, segment, ckpt, max_segments=4)
    except RunInterrupted as stop:
        print(f"stopped: {stop.completed}/{stop.total} segments")
    print(ckpt.read_text())
    resumed = count_a_sieve(x, segment, ckpt, threads=2)

print(reference.count, reference.digest_hex)
print(resumed.count, resumed.digest_hex)
