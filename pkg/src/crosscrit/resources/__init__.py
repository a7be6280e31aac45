"""Resources package for crosscrit."""
