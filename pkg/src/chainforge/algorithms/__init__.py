"""Chain-partitioning strategies and the local colorer."""
