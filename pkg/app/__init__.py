"""Paquete de entrypoints de la aplicación"""
