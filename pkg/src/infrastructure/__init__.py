"""
Infrastructure layer: persistence and rendering of laboratory artifacts.

- storage: atomic artifact stores (local directory, in-memory)
- codecs: CSV/JSON encodings of fields, maps, curves, set models and reports
- rendering: deterministic matplotlib SVG figures

Nothing in src/core depends on this package.
"""
