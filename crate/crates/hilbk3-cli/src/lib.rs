//! Command-line front end for `hilbk3`: configuration, caching, the `expand`, `wdvv`,
//! `bracket` and `verify` commands, and the acceptance suites.
//!
//! * [`config`]: settings from flags, environment, a TOML file and defaults.
//! * [`cache`]: versioned on-disk cache of JSON payloads.
//! * [`commands`]: the four commands.
//! * [`suites`]: the twelve acceptance criteria.

pub mod cache;
pub mod commands;
pub mod config;
pub mod suites;
