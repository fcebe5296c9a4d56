use std::process::ExitCode;

fn main() -> ExitCode {
    match heptacensus_cli::parse_args(std::env::args_os().skip(1)) {
        Ok(cli) => ExitCode::from(heptacensus_cli::run(cli)),
        Err(e) => {
            // clap reports help/version on stdout with code 0, usage errors
            // on stderr with code 2.
            let code = u8::try_from(e.exit_code()).unwrap_or(2);
            let _ = e.print();
            ExitCode::from(code)
        }
    }
}
