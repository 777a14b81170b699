"""Executable formal theory of monads over finite categories."""
