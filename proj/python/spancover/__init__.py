"""Exact space cover solver for regular matroids (C++ core bindings)."""

try:
    from ._spancover import (  # noqa: F401
        generate,
        oracle_text,
        rank_reduce_text,
        solve_text,
        verify_text,
    )
except ImportError:  # running against a bare build tree
    from _spancover import (  # noqa: F401
        generate,
        oracle_text,
        rank_reduce_text,
        solve_text,
        verify_text,
    )

__all__ = ["solve_text", "oracle_text", "verify_text", "generate", "rank_reduce_text"]
