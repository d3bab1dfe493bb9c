"""
Paquete src del proyecto fracjensen.
Operadores fraccionarios y verificación numérica de desigualdades de Jensen y Mercer,
organizado en arquitectura hexagonal.
"""
