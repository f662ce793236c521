//! Gluing diagrams and glued surfaces (placeholder).
