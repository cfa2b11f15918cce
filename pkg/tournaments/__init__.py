"""Cyclic tournaments, their automorphism groups and distinguishing 2-labelings."""
