"""Turns a labeled Region Adjacency Graph into rooms, doors and wall segments.

Modules:
    doors: Pairing of door regions into swing and embedded parts.

    rooms: Fixed-point merging of objects, stairs and door swings into rooms.

    connectivity: The Room Connectivity Graph and its JSON file.

    walls: Merging of windows and embedded door parts into the wall polygon.

    separation: Separation lines across the wall thickness.

    construction: Convex wall segments cut along the separation lines.

    association: Rooms bordering each wall segment.

    postprocessing: All steps in order, and the wall layout file.
"""
