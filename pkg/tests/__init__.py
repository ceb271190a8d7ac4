"""Tests for toric billiards"""
