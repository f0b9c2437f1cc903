//! C ABI surface. Placeholder while the core library lands.
