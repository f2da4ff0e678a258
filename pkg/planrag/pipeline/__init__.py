"""Synthetic plans, SVG IO, end-to-end orchestration and experiments.

Modules:
    synthetic: Generator of plans with ground truth and known door topology.

    svg_io: Labeled SVG import and layered SVG export.

    orchestrator: run_pipeline and the per-plan worker pool.

    experiments: Rotation experiment and invariant-ratio sweep.

    splits: Seed-deterministic dataset splits.
"""
