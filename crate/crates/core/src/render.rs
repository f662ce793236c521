//! Diagram rendering (placeholder).
