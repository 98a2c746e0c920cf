//! Command-line front end for `qzeta-core`: argument parsing, JSON records
//! and the on-disk cache of symbolic values.

pub mod app;
pub mod cache;
pub mod record;

use clap::Parser;

/// Parses `args`, runs the command writing data to `out`, and returns the
/// process exit status. Diagnostics go to stderr.
pub fn main_with<I, T>(args: I, out: &mut dyn std::io::Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match app::Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    match app::run(cli, out) {
        Ok(()) => 0,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}
