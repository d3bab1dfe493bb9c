"""Módulo de configuración"""
