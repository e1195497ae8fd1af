use std::io::Write;

use a1deg::cancel::CancelToken;
use a1deg::cli;

fn main() {
    let token = CancelToken::new();
    let handler_token = token.clone();
    let _ = ctrlc::set_handler(move || handler_token.cancel());
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let code = cli::run_with(
        std::env::args_os(),
        &mut stdout.lock(),
        &mut stderr.lock(),
        &token,
    );
    let _ = std::io::stdout().flush();
    std::process::exit(code);
}
