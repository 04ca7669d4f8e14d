#!/usr/bin/env python3
"""
兼容性安装脚本，元数据见 pyproject.toml
"""

from setuptools import setup

setup()
