use std::io::IsTerminal;

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    if !std::io::stdout().is_terminal() {
        std::env::set_var(crnkit::cli::NO_COLOR_ENV, "1");
    }
    let code = crnkit::cli::run(std::env::args_os(), &mut std::io::stdout(), &mut std::io::stderr());
    std::process::exit(code);
}
