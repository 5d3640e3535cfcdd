# -*- coding: utf-8 -*-
"""
Tests of the command line tools
"""
