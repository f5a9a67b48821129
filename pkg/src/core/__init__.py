# Core Layer - Suite engine, certificates, webhooks