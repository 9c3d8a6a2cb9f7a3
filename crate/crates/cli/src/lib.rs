//! Command line tool and HTTP service around [`snort_core`].

pub mod cli;
pub mod service;
pub mod session;
