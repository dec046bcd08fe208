"""Drive an external program as the black-box objective.

The child process declares its search space on one JSON line, then answers
one evaluation request per line.  Anything that can read/write lines can be
an objective; here a tiny inline Python script serves a quadratic bowl.
"""

import sys
import textwrap

from washh import ExternalEvaluator, WashhConfig, run_washh

CHILD = textwrap.dedent(
    """
    import json, sys
    print(json.dumps({"dim": 4, "lower": [-10] * 4, "upper": [10] * 4,
                      "anchors": [[1, 1, 1, 1]]}), flush=True)
    for line in sys.stdin:
        req = json.loads(line)
        loss = sum((v - 1.0) ** 2 for v in req["x"])
        print(json.dumps({"id": req["id"], "loss": loss}), flush=True)
    """
)

with ExternalEvaluator([sys.executable, "-c", CHILD], timeout=10.0, name="quadratic") as child:
    problem = child.handshake()
    print(f"declared space: dim={problem.dim}, anchors={[a.tolist() for a in problem.anchors]}")
    record = run_washh(problem, WashhConfig(pop_size=10, budget=200, seed=0))

print(f"best loss {record.best_value:.3e} at {record.best_point.round(4)}")
print(f"requests sent: {record.evaluations}")
