"""Módulo de ports (interfaces)"""
