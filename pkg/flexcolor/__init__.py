"""flexcolor - reducible configurations, discharging and flexible list coloring of triangle-free planar graphs"""

__version__ = "0.1.0"
