import datetime
import logging
import os
import pathlib
import sys
from logging import LogRecord
from typing import Union

import importlib_metadata as metadata

PACKAGE = "evicalc"


def package_version() -> str:
    try:
        return metadata.version(PACKAGE)
    except metadata.PackageNotFoundError:
        return "unknown"


def format_probability(p: float, digits: int = 5) -> str:
    """Formats a probability, switching to scientific notation below 1e-3."""
    if p != 0 and abs(p) < 1e-3:
        return f"{p:.{digits - 1}e}"
    return f"{p:.{digits}f}"


class EvicalcFormatter(logging.Formatter):
    converter = datetime.datetime.fromtimestamp

    def formatTime(self, record: LogRecord, datefmt: Union[str, None] = None) -> str:
        ct = self.converter(record.created)
        if datefmt:
            return ct.strftime(datefmt)
        return ct.strftime("%Y-%m-%d %H:%M:%S")


class VerboseFilter(logging.Filter):
    def __init__(self, verbose):
        super().__init__()
        self.verbose = verbose

    def filter(self, record):
        return self.verbose > 0


class Logger:
    """Console and file logging for a command-line session.

    Library modules log through ``logging.getLogger(__name__)``; their
    records reach the ``evicalc`` logger configured here. Console handlers
    write to stderr because stdout carries the reports.

    Args:
        log_dir (str, optional): Directory for log files. No files are written if None.
        verbose (int): Progress lines are printed to the console if > 0.
        log_prefix (str): Prefix of the log file names.
        logger_id (str): Name of the output and error channels.
    """

    def __init__(self, log_dir=None, verbose=0, log_prefix="", logger_id="cli"):
        self.verbose = verbose
        self.logger, self.logger_output, self.logger_err = self._setup(
            log_dir=log_dir, log_prefix=log_prefix, logger_id=logger_id
        )
        self._log_initial_info()
        self.msg_prepend = "evicalc: "

    def _setup(self, log_dir=None, log_prefix="", logger_id="cli"):
        if log_prefix:
            log_prefix += "_"

        logger = logging.getLogger(PACKAGE)
        logger_output = logging.getLogger(f"{PACKAGE}.{logger_id}.output")
        logger_err = logging.getLogger(f"{PACKAGE}.{logger_id}.err")
        for lg in (logger, logger_output, logger_err):
            # Repeated sessions in one process must not stack handlers.
            for handler in list(lg.handlers):
                lg.removeHandler(handler)
                handler.close()
            lg.setLevel(logging.DEBUG)
        logger.propagate = False
        logger_output.propagate = False
        logger_err.propagate = False

        ch = logging.StreamHandler(stream=sys.stderr)
        ch.setLevel(logging.INFO)
        ch.setFormatter(logging.Formatter("{message}", style="{"))
        ch.addFilter(VerboseFilter(self.verbose))
        logger_output.addHandler(ch)

        cl = logging.StreamHandler(stream=sys.stderr)
        cl.setLevel(logging.DEBUG if self.verbose > 1 else logging.INFO)
        cl.setFormatter(logging.Formatter("{name}: {message}", style="{"))
        cl.addFilter(VerboseFilter(self.verbose))
        logger.addHandler(cl)

        ce = logging.StreamHandler(stream=sys.stderr)
        ce.setLevel(logging.INFO)
        ce.setFormatter(logging.Formatter("evicalc: {levelname} - {message}", style="{"))
        logger_err.addHandler(ce)

        if log_dir is not None:
            pathlib.Path(log_dir).mkdir(parents=True, exist_ok=True)

            # Modified ISO8601 format YYYY-MM-DDThhmmssZ.
            # : does not work in file naming on Windows.
            date = datetime.datetime.now().strftime("%Y-%m-%dT%H%M%SZ")
            base = os.path.join(log_dir, f"{log_prefix}{os.getpid()}_{date}_evicalc")

            f_formatter = EvicalcFormatter(fmt="%(asctime)s - %(name)s - %(message)s")

            fh = logging.FileHandler(f"{base}_output.log")
            fh.setLevel(logging.INFO)
            fh.setFormatter(f_formatter)
            logger_output.addHandler(fh)

            f = logging.FileHandler(f"{base}.log")
            f.setLevel(logging.DEBUG)
            f.setFormatter(f_formatter)
            logger.addHandler(f)

            err_formatter = logging.Formatter(
                "{asctime} - {levelname} - {message}", style="{"
            )
            f_err = logging.FileHandler(f"{base}_err.log", delay=True)
            f_err.setLevel(logging.DEBUG)
            f_err.setFormatter(err_formatter)
            logger_err.addHandler(f_err)

        return logger, logger_output, logger_err

    def _log_initial_info(self):
        self.info(f"{PACKAGE} version {package_version()}")

    def output(self, msg):
        self.logger_output.info(self.msg_prepend + msg)

    def info(self, msg):
        self.logger.info(msg)

    def debug(self, msg):
        self.logger.debug(msg)

    def err_debug(self, msg):
        self.logger_err.debug(msg)

    def err_info(self, msg):
        self.logger_err.info(msg)

    def err_warn(self, msg):
        self.logger_err.warning(msg)

    def err_critical(self, msg):
        self.logger_err.critical(msg)
