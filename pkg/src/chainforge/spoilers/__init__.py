"""Adversaries used as executable lower bounds."""
