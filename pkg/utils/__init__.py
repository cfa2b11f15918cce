"""Utility modules for configuration, bitsets and number theory."""
