"""Finite presheaf toposes, the double-negation topology, decidable objects and
geometric morphisms, with a checker that runs statements about them over a
corpus of small sites."""

__version__ = "0.1.0"
