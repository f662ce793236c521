//! Catalog pipeline (placeholder).
