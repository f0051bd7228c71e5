import sys
import logging

from utils.config import load_settings
from utils.errors import UsageError
from cli.commands import CliInstance, EXIT_USAGE


def configure_logging(level: str):
    # --- LOGGING CONFIGURATION ---
    # stdout carries CSV/JSON output, so every log record goes to stderr
    root_logger = logging.getLogger()
    root_logger.setLevel(level)

    for handler in root_logger.handlers[:]:
        root_logger.removeHandler(handler)
        handler.close()

    handler = logging.StreamHandler(sys.stderr)
    formatter = logging.Formatter('%(asctime)s:%(levelname)s:%(name)s: %(message)s')
    handler.setFormatter(formatter)
    root_logger.addHandler(handler)
    # --- END OF LOGGING CONFIGURATION ---


def main(argv: list[str] | None = None) -> int:
    try:
        settings = load_settings()
    except UsageError as e:
        print(str(e), file=sys.stderr)
        return EXIT_USAGE

    try:
        configure_logging(settings.log_level)
    except ValueError:
        configure_logging('WARNING')
        logging.getLogger('main').warning(f"Unknown SRDIST_LOG_LEVEL '{settings.log_level}', using WARNING.")

    return CliInstance(settings).run(argv)


if __name__ == '__main__':
    sys.exit(main())
