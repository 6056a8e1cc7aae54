#!/usr/bin/env python3

# Copyright (c) carleson-lab contributors.
# All rights reserved.
#
# This source code is licensed under the BSD-style license described in
# pyproject.toml.
#

import logging
import threading

from termcolor import colored

_LEVEL_COLORS = (
    (logging.ERROR, "red"),
    (logging.WARNING, "yellow"),
    (logging.INFO, None),
)


class ContextFilter(logging.Filter):
    """
    Adds `level` (coloured, right justified), `logger_name` (last dotted
    component) and `thread` (worker threads at DEBUG) to every record.
    """

    def __init__(self, color: bool = True):
        super().__init__()
        self._color = color

    def filter(self, record):
        level = record.levelname.lower().rjust(7)
        if self._color:
            level = _colorize(level, record.levelno)
        record.level = level

        if record.name == "__main__":
            record.logger_name = "main"
        else:
            record.logger_name = record.name.split(".")[-1]

        record.thread = ""
        if record.levelno <= logging.DEBUG:
            thread = threading.current_thread().name
            if thread != "MainThread":
                record.thread = "thread {}: ".format(thread)

        return True


def _colorize(text: str, levelno: int) -> str:
    for threshold, color in _LEVEL_COLORS:
        if levelno >= threshold:
            return colored(text, color) if color else text
    return colored(text, "blue")


def get_formatter():
    return logging.Formatter(
        fmt="[%(asctime)-15s] [%(level)6s] [%(logger_name)s] %(thread)s%(message)s"
    )


def setup_logger(level, stream, color: bool = True):
    log_handler = logging.StreamHandler(stream)
    log_handler.setFormatter(get_formatter())
    log_handler.addFilter(ContextFilter(color))
    logging.root.addHandler(log_handler)

    logging.root.setLevel(level)
    return log_handler
