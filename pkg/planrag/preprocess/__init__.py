"""Building filter chain applied to raster plans before vectorization."""
