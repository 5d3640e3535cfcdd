# -*- coding: utf-8 -*-
"""
Tests of the definition language
"""
