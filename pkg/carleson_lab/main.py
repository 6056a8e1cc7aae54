#!/usr/bin/env python3

# Copyright (c) carleson-lab contributors.
# All rights reserved.
#
# This source code is licensed under the BSD-style license described in
# pyproject.toml.
#

import sys

from carleson_lab import CarlesonLab, commands


def main():
    lab = CarlesonLab(command_pkgs=commands)
    sys.exit(lab.run())


if __name__ == "__main__":
    main()
