# API Layer - REST endpoints