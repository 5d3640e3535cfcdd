# -*- coding: utf-8 -*-
"""
Testing package
"""
