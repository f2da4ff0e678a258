"""Binary, label and gray rasters with the operations the pipeline needs."""
