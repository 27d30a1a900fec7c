"""Symbolic calculus for Lefschetz fibrations with sections."""
