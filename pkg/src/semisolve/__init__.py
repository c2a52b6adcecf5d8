"""Semi-strong solving of small Othello boards with the reopening search."""

__all__ = ["board", "kinds", "games", "search", "theory", "oracle", "census",
           "store", "fast", "server", "cli"]
