"""Subprocess evaluator: validation log loss of an RBF-kernel SVC.

Serves the line-delimited JSON protocol on stdin/stdout: one handshake line
declaring the two-dimensional search space (log10 C, log10 gamma), then one
``{"id": k, "loss": v}`` response per ``{"id": k, "x": [...]}`` request.

Each evaluation trains an SVC with probability outputs on a stratified
training split of the breast cancer diagnostic dataset and scores the
predicted class probabilities on the held-out split.  Features are
standardized with statistics fitted on the training split only.  Fits are
deterministic given the candidate and the split seed, so repeated requests
for the same point return identical losses.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np
from sklearn.datasets import load_breast_cancer
from sklearn.metrics import log_loss
from sklearn.model_selection import train_test_split
from sklearn.preprocessing import StandardScaler
from sklearn.svm import SVC

# Search space in log10: C in [1e-3, 1e3], gamma in [1e-5, 10].
LOWER = (-3.0, -5.0)
UPPER = (3.0, 1.0)

# Returned for candidates whose fit or scoring fails.
FAILURE_SENTINEL = 1e9

# Common experience-based choice: C = 1, gamma = 0.01.
EXPERIENCE_ANCHOR = (0.0, -2.0)


class HpoObjective:
    """Holds the split data and evaluates (log10 C, log10 gamma) candidates."""

    def __init__(self, split_seed: int = 0, train_frac: float = 0.7):
        self.split_seed = split_seed
        data = load_breast_cancer()
        x_train, x_valid, self.y_train, self.y_valid = train_test_split(
            data.data,
            data.target,
            train_size=train_frac,
            random_state=split_seed,
            stratify=data.target,
        )
        scaler = StandardScaler().fit(x_train)
        self.x_train = scaler.transform(x_train)
        self.x_valid = scaler.transform(x_valid)
        self._cache: dict[tuple[float, float], float] = {}

    def default_anchor(self) -> tuple[float, float]:
        """Library-default settings: C = 1 and the variance-scaled gamma."""
        gamma_scale = 1.0 / (self.x_train.shape[1] * self.x_train.var())
        return (0.0, float(np.log10(gamma_scale)))

    def anchors(self) -> list[tuple[float, float]]:
        lo, hi = np.asarray(LOWER), np.asarray(UPPER)
        out = []
        for anchor in (self.default_anchor(), EXPERIENCE_ANCHOR):
            clipped = tuple(float(v) for v in np.minimum(hi, np.maximum(lo, anchor)))
            if clipped not in out:
                out.append(clipped)
        return out

    def handshake(self) -> dict:
        return {
            "dim": 2,
            "lower": list(LOWER),
            "upper": list(UPPER),
            "anchors": [list(a) for a in self.anchors()],
        }

    def evaluate(self, candidate) -> float:
        """Validation log loss at (log10 C, log10 gamma); sentinel on failure."""
        key = (float(candidate[0]), float(candidate[1]))
        if key in self._cache:
            return self._cache[key]
        try:
            model = SVC(
                C=10.0 ** key[0],
                gamma=10.0 ** key[1],
                kernel="rbf",
                probability=True,
                random_state=self.split_seed,
            )
            model.fit(self.x_train, self.y_train)
            proba = model.predict_proba(self.x_valid)
            loss = float(log_loss(self.y_valid, proba, labels=model.classes_))
            if not np.isfinite(loss):
                loss = FAILURE_SENTINEL
        except Exception as exc:
            print(f"svc-evaluator: fit failed for {key}: {exc}", file=sys.stderr, flush=True)
            loss = FAILURE_SENTINEL
        self._cache[key] = loss
        return loss


def serve(objective: HpoObjective, stdin=None, stdout=None) -> None:
    """Run the protocol loop until the requester closes our input."""
    stdin = stdin if stdin is not None else sys.stdin
    stdout = stdout if stdout is not None else sys.stdout
    print(json.dumps(objective.handshake()), file=stdout, flush=True)
    for line in stdin:
        if not line.strip():
            continue
        request = json.loads(line)
        loss = objective.evaluate(request["x"])
        print(json.dumps({"id": request["id"], "loss": loss}), file=stdout, flush=True)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--split-seed", type=int, default=0, help="seed of the stratified holdout split")
    parser.add_argument("--train-frac", type=float, default=0.7, help="fraction of samples used for training")
    args = parser.parse_args(argv)
    serve(HpoObjective(split_seed=args.split_seed, train_frac=args.train_frac))
    return 0


if __name__ == "__main__":
    sys.exit(main())
