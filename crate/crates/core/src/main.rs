use std::io::Write;

fn main() {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let (mut out, mut err) = (stdout.lock(), stderr.lock());
    if let Err(code) = solqsol::cli::apply_environment(&mut err) {
        std::process::exit(code);
    }
    let args: Vec<String> = std::env::args().collect();
    let code = solqsol::cli::run(&args, &mut out, &mut err);
    let _ = out.flush();
    std::process::exit(code);
}
