"""Hodge theory on bicovariant differential calculi over quantum general linear groups."""
__version__ = "0.1.0"
