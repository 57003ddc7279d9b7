"""Executable statements about geometric morphisms, checked over a corpus."""
from .checks import CHECKS, CheckConfig
from .corpus import CORPUS, LABELS, Topos, build_topos, corpus, load_topos
from .suite import list_statements, run_check, run_suite, summarize, without_timing
from .verdict import Instance, Verdict, aggregate

__all__ = ["CHECKS", "CheckConfig", "CORPUS", "LABELS", "Topos", "build_topos", "corpus", "load_topos", "list_statements",
           "run_check", "run_suite", "summarize", "without_timing", "Instance", "Verdict", "aggregate"]
