"""Exact Hodge series, lens groups and the LMR construction."""
