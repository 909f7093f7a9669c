"""Enriched categories over symmetric multicategories."""
