fn main() {
    // Die quietly when piped into `head` and friends instead of panicking.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    std::process::exit(histcic_cli::run(std::env::args_os()));
}
