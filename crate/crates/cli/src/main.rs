use clap::error::ErrorKind;
use clap::Parser;
use spectrunc_cli::{run, Cli, Exit};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Exit::Success,
                _ => Exit::Usage,
            };
            let _ = e.print();
            std::process::exit(code as i32);
        }
    };
    std::process::exit(run(&cli) as i32);
}
