//! IO, JSON formats, verification sweeps and the HTTP service for `braidquiver-core`.

pub mod api;
pub mod json;
pub mod server;
pub mod verify;
