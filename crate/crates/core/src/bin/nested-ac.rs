use std::io::Write;

fn main() {
    let (out, err) = nested_ac::cli::run(std::env::args_os());
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(out.stdout.as_bytes());
    let _ = stdout.flush();
    if let Some(e) = err {
        eprintln!("{}", e.trim_end());
    }
    std::process::exit(out.code);
}
