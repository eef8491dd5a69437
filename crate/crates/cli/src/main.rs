use clap::Parser;
use coxkit_cli::{execute, Cli, EXIT_ERROR, EXIT_OK};
use std::io::Write;

fn main() {
    let code = match Cli::try_parse() {
        Ok(cli) => {
            let result = execute(&cli);
            let out = result.output(cli.global.json);
            // a closed pipe is not an error worth reporting
            let _ = if result.code == EXIT_ERROR && !cli.global.json {
                writeln!(std::io::stderr(), "{out}")
            } else {
                writeln!(std::io::stdout(), "{out}")
            };
            result.code
        }
        Err(e) => {
            let _ = e.print();
            if e.use_stderr() { EXIT_ERROR } else { EXIT_OK }
        }
    };
    std::process::exit(code);
}
