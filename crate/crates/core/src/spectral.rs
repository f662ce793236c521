//! Discrete spectra (placeholder).
