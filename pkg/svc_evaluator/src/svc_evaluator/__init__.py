from .evaluator import FAILURE_SENTINEL, LOWER, UPPER, HpoObjective, serve

__all__ = ["FAILURE_SENTINEL", "LOWER", "UPPER", "HpoObjective", "serve"]
