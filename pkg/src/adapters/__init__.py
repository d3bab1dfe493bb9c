"""Módulo de adapters (implementaciones)"""
